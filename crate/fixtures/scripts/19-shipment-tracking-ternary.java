ShipmentVO shipmentVO = new ShipmentVO();
shipmentVO.setTrackingNo(shipmentDTO.getTrackingNo() != null ? shipmentDTO.getTrackingNo() : null);
shipmentVO.setDestination(shipmentDTO.getDestination() != null ? shipmentDTO.getDestination() : null);
shipmentVO.setWeightKg(shipmentDTO.getWeightKg() != null ? shipmentDTO.getWeightKg() : null);
shipmentVO.setCarrierCode(carrierDTO.getCode() != null ? carrierDTO.getCode() : null);
shipmentVO.setCarrierHotline(carrierDTO.getHotline() != null ? carrierDTO.getHotline() : null);
return shipmentVO;