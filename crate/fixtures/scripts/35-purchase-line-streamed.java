PurchaseLineVO lineVO = new PurchaseLineVO();
try {
    lineVO.setLineNo(purchaseLineDTO.getLineNo());
    lineVO.setOrderedQty(purchaseLineDTO.getOrderedQty());
    lineVO.setUnitPrice(purchaseLineDTO.getUnitPrice());
    SkuBrief sku = new SkuBrief();
    sku.setSkuCode(skuItemDTO.getSkuCode());
    sku.setSkuName(skuItemDTO.getSkuName());
    lineVO.setSku(sku);
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
return lineVO;
