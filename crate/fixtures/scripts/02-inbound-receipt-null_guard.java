ReceiptVO receiptVO = new ReceiptVO();
if (receiptDTO == null) {
    return receiptVO;
}
receiptVO.setReceiptNo(receiptDTO.getReceiptNo());
receiptVO.setSupplierName(receiptDTO.getSupplierName());
receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode());
receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity());
receiptVO.setLineCount(receiptDTO.getLineCount());
return receiptVO;