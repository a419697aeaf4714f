PurchaseLineVO lineVO = new PurchaseLineVO();
lineVO.setLineNo(purchaseLineDTO.getLineNo() != null ? purchaseLineDTO.getLineNo() : null);
lineVO.setOrderedQty(purchaseLineDTO.getOrderedQty() != null ? purchaseLineDTO.getOrderedQty() : null);
lineVO.setUnitPrice(purchaseLineDTO.getUnitPrice() != null ? purchaseLineDTO.getUnitPrice() : null);
SkuBrief sku = new SkuBrief();
sku.setSkuCode(skuItemDTO.getSkuCode() != null ? skuItemDTO.getSkuCode() : null);
sku.setSkuName(skuItemDTO.getSkuName() != null ? skuItemDTO.getSkuName() : null);
lineVO.setSku(sku);
return lineVO;