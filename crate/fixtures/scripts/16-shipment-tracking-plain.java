ShipmentVO shipmentVO = new ShipmentVO();
shipmentVO.setTrackingNo(shipmentDTO.getTrackingNo());
shipmentVO.setDestination(shipmentDTO.getDestination());
shipmentVO.setWeightKg(shipmentDTO.getWeightKg());
shipmentVO.setCarrierCode(carrierDTO.getCode());
shipmentVO.setCarrierHotline(carrierDTO.getHotline());
return shipmentVO;