ReceiptVO receiptVO = new ReceiptVO();
receiptVO.setReceiptNo(receiptDTO.getReceiptNo() != null ? receiptDTO.getReceiptNo() : null);
receiptVO.setSupplierName(receiptDTO.getSupplierName() != null ? receiptDTO.getSupplierName() : null);
receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode() != null ? receiptDTO.getWarehouseCode() : null);
receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity() != null ? receiptDTO.getTotalQuantity() : null);
receiptVO.setLineCount(receiptDTO.getLineCount() != null ? receiptDTO.getLineCount() : null);
return receiptVO;