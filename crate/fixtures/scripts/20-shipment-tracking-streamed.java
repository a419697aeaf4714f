ShipmentVO shipmentVO = new ShipmentVO();
try {
    shipmentVO.setTrackingNo(shipmentDTO.getTrackingNo());
    shipmentVO.setDestination(shipmentDTO.getDestination());
    shipmentVO.setWeightKg(shipmentDTO.getWeightKg());
    shipmentVO.setCarrierCode(carrierDTO.getCode());
    shipmentVO.setCarrierHotline(carrierDTO.getHotline());
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
return shipmentVO;
