InventoryResponseDTO response = new InventoryResponseDTO();
response.setWarehouseName(inventoryInfoDTO.getWarehouseName() != null ? inventoryInfoDTO.getWarehouseName() : null);
response.setName(inventoryInfoDTO.getInventoryName() != null ? inventoryInfoDTO.getInventoryName() : null);
response.setAvailableQuantity(inventoryInfoDTO.getAvailableQuantity() != null ? inventoryInfoDTO.getAvailableQuantity() : null);
SKUInfo sku = new SKUInfo();
sku.setSkuName(skuInfoDTO.getSkuName() != null ? skuInfoDTO.getSkuName() : null);
sku.setOwnName(skuInfoDTO.getUser().getName() != null ? skuInfoDTO.getUser().getName() : null);
response.setSku(sku);
return response;