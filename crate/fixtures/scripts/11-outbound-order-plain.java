OutboundOrderVO orderVO = new OutboundOrderVO();
orderVO.setOrderNo(outboundOrderDTO.getOrderNo());
orderVO.setWarehouseCode(outboundOrderDTO.getWarehouseCode());
orderVO.setItemCount(outboundOrderDTO.getItemCount());
orderVO.setCustomerName(customerDTO.getCustomerName());
orderVO.setCustomerPhone(customerDTO.getPhone());
return orderVO;