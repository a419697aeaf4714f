StockAlertVO alert = new StockAlertVO();
alert.setSkuCode(stockDTO.getSkuCode() != null ? stockDTO.getSkuCode() : null);
alert.setCurrentQuantity(stockDTO.getQuantity() != null ? stockDTO.getQuantity() : null);
alert.setSafetyStockLevel(stockDTO.getSafetyStock() != null ? stockDTO.getSafetyStock() : null);
alert.setWarehouseName(stockDTO.getWarehouseName() != null ? stockDTO.getWarehouseName() : null);
alert.setUnit(stockDTO.getUnit() != null ? stockDTO.getUnit() : null);
alert.setLocationCode(stockDTO.getLocationCode() != null ? stockDTO.getLocationCode() : null);
return alert;