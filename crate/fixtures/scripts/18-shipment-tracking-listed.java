List<ShipmentVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    ShipmentVO shipmentVO = new ShipmentVO();
    shipmentVO.setTrackingNo(shipmentDTO.getTrackingNo());
    shipmentVO.setDestination(shipmentDTO.getDestination());
    shipmentVO.setWeightKg(shipmentDTO.getWeightKg());
    shipmentVO.setCarrierCode(carrierDTO.getCode());
    shipmentVO.setCarrierHotline(carrierDTO.getHotline());
    results.add(shipmentVO);
}
return results;
