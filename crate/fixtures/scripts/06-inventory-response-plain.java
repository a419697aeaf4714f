InventoryResponseDTO response = new InventoryResponseDTO();
response.setWarehouseName(inventoryInfoDTO.getWarehouseName());
response.setName(inventoryInfoDTO.getInventoryName());
response.setAvailableQuantity(inventoryInfoDTO.getAvailableQuantity());
SKUInfo sku = new SKUInfo();
sku.setSkuName(skuInfoDTO.getSkuName());
sku.setOwnName(skuInfoDTO.getUser().getName());
response.setSku(sku);
return response;