List<CycleCountVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    CycleCountVO result = new CycleCountVO();
    result.setTaskNo(countTaskDTO.getTaskNo());
    result.setLocationCode(countTaskDTO.getLocationCode());
    result.setExpectedQty(countTaskDTO.getExpectedQty());
    result.setCountedQty(countTaskDTO.getCountedQty());
    result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty());
    results.add(result);
}
return results;
