List<InventoryResponseDTO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    InventoryResponseDTO response = new InventoryResponseDTO();
    response.setWarehouseName(inventoryInfoDTO.getWarehouseName());
    response.setName(inventoryInfoDTO.getInventoryName());
    response.setAvailableQuantity(inventoryInfoDTO.getAvailableQuantity());
    SKUInfo sku = new SKUInfo();
    sku.setSkuName(skuInfoDTO.getSkuName());
    sku.setOwnName(skuInfoDTO.getUser().getName());
    response.setSku(sku);
    results.add(response);
}
return results;
