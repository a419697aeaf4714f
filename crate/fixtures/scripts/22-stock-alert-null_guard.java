StockAlertVO alert = new StockAlertVO();
if (stockDTO == null) {
    return alert;
}
alert.setSkuCode(stockDTO.getSkuCode());
alert.setCurrentQuantity(stockDTO.getQuantity());
alert.setSafetyStockLevel(stockDTO.getSafetyStock());
alert.setWarehouseName(stockDTO.getWarehouseName());
alert.setUnit(stockDTO.getUnit());
alert.setLocationCode(stockDTO.getLocationCode());
return alert;