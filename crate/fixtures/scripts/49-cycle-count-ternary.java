CycleCountVO result = new CycleCountVO();
result.setTaskNo(countTaskDTO.getTaskNo() != null ? countTaskDTO.getTaskNo() : null);
result.setLocationCode(countTaskDTO.getLocationCode() != null ? countTaskDTO.getLocationCode() : null);
result.setExpectedQty(countTaskDTO.getExpectedQty() != null ? countTaskDTO.getExpectedQty() : null);
result.setCountedQty(countTaskDTO.getCountedQty() != null ? countTaskDTO.getCountedQty() : null);
result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty() != null ? countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty() : null);
return result;