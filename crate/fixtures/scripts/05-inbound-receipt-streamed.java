ReceiptVO receiptVO = new ReceiptVO();
try {
    receiptVO.setReceiptNo(receiptDTO.getReceiptNo());
    receiptVO.setSupplierName(receiptDTO.getSupplierName());
    receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode());
    receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity());
    receiptVO.setLineCount(receiptDTO.getLineCount());
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
return receiptVO;
