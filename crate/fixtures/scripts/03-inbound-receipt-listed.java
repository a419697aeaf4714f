List<ReceiptVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    ReceiptVO receiptVO = new ReceiptVO();
    receiptVO.setReceiptNo(receiptDTO.getReceiptNo());
    receiptVO.setSupplierName(receiptDTO.getSupplierName());
    receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode());
    receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity());
    receiptVO.setLineCount(receiptDTO.getLineCount());
    results.add(receiptVO);
}
return results;
