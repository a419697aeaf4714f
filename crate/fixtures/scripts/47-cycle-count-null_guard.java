CycleCountVO result = new CycleCountVO();
if (countTaskDTO == null) {
    return result;
}
result.setTaskNo(countTaskDTO.getTaskNo());
result.setLocationCode(countTaskDTO.getLocationCode());
result.setExpectedQty(countTaskDTO.getExpectedQty());
result.setCountedQty(countTaskDTO.getCountedQty());
result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty());
return result;