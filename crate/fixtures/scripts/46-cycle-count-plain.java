CycleCountVO result = new CycleCountVO();
result.setTaskNo(countTaskDTO.getTaskNo());
result.setLocationCode(countTaskDTO.getLocationCode());
result.setExpectedQty(countTaskDTO.getExpectedQty());
result.setCountedQty(countTaskDTO.getCountedQty());
result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty());
return result;