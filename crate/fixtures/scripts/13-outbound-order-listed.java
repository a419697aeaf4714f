List<OutboundOrderVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    OutboundOrderVO orderVO = new OutboundOrderVO();
    orderVO.setOrderNo(outboundOrderDTO.getOrderNo());
    orderVO.setWarehouseCode(outboundOrderDTO.getWarehouseCode());
    orderVO.setItemCount(outboundOrderDTO.getItemCount());
    orderVO.setCustomerName(customerDTO.getCustomerName());
    orderVO.setCustomerPhone(customerDTO.getPhone());
    results.add(orderVO);
}
return results;
