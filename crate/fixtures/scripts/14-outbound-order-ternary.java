OutboundOrderVO orderVO = new OutboundOrderVO();
orderVO.setOrderNo(outboundOrderDTO.getOrderNo() != null ? outboundOrderDTO.getOrderNo() : null);
orderVO.setWarehouseCode(outboundOrderDTO.getWarehouseCode() != null ? outboundOrderDTO.getWarehouseCode() : null);
orderVO.setItemCount(outboundOrderDTO.getItemCount() != null ? outboundOrderDTO.getItemCount() : null);
orderVO.setCustomerName(customerDTO.getCustomerName() != null ? customerDTO.getCustomerName() : null);
orderVO.setCustomerPhone(customerDTO.getPhone() != null ? customerDTO.getPhone() : null);
return orderVO;