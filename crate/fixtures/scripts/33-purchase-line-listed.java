List<PurchaseLineVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    PurchaseLineVO lineVO = new PurchaseLineVO();
    lineVO.setLineNo(purchaseLineDTO.getLineNo());
    lineVO.setOrderedQty(purchaseLineDTO.getOrderedQty());
    lineVO.setUnitPrice(purchaseLineDTO.getUnitPrice());
    SkuBrief sku = new SkuBrief();
    sku.setSkuCode(skuItemDTO.getSkuCode());
    sku.setSkuName(skuItemDTO.getSkuName());
    lineVO.setSku(sku);
    results.add(lineVO);
}
return results;
