ReceiptVO receiptVO = new ReceiptVO();
receiptVO.setReceiptNo(receiptDTO.getReceiptNo());
receiptVO.setSupplierName(receiptDTO.getSupplierName());
receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode());
receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity());
receiptVO.setLineCount(receiptDTO.getLineCount());
return receiptVO;