CycleCountVO result = new CycleCountVO();
try {
    result.setTaskNo(countTaskDTO.getTaskNo());
    result.setLocationCode(countTaskDTO.getLocationCode());
    result.setExpectedQty(countTaskDTO.getExpectedQty());
    result.setCountedQty(countTaskDTO.getCountedQty());
    result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty());
} catch (RuntimeException e) {
    throw new IllegalStateException("mapping failed", e);
}
List<String> tags = Stream.of("a", "b").map(s -> s.toUpperCase()).collect(Collectors.toList());
switch (tags.size()) {
    case 0:
        break;
    default:
        tags.forEach(t -> System.out.println(t));
}
return result;
