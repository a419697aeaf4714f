StockAlertVO alert = new StockAlertVO();
try {
    alert.setSkuCode(stockDTO.getSkuCode());
    alert.setCurrentQuantity(stockDTO.getQuantity());
    alert.setSafetyStockLevel(stockDTO.getSafetyStock());
    alert.setWarehouseName(stockDTO.getWarehouseName());
    alert.setUnit(stockDTO.getUnit());
    alert.setLocationCode(stockDTO.getLocationCode());
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
return alert;
