InventoryResponseDTO response = new InventoryResponseDTO();
try {
    response.setWarehouseName(inventoryInfoDTO.getWarehouseName());
    response.setName(inventoryInfoDTO.getInventoryName());
    response.setAvailableQuantity(inventoryInfoDTO.getAvailableQuantity());
    SKUInfo sku = new SKUInfo();
    sku.setSkuName(skuInfoDTO.getSkuName());
    sku.setOwnName(skuInfoDTO.getUser().getName());
    response.setSku(sku);
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
return response;
