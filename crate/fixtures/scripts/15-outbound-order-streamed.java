OutboundOrderVO orderVO = new OutboundOrderVO();
try {
    orderVO.setOrderNo(outboundOrderDTO.getOrderNo());
    orderVO.setWarehouseCode(outboundOrderDTO.getWarehouseCode());
    orderVO.setItemCount(outboundOrderDTO.getItemCount());
    orderVO.setCustomerName(customerDTO.getCustomerName());
    orderVO.setCustomerPhone(customerDTO.getPhone());
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
return orderVO;
