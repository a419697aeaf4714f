package com.wms.stock;

/** Alert raised when stock runs low */
public class StockAlertVO {
    private static final long serialVersionUID = 1L;

    // SKU code
    private String skuCode;

    // Quantity on hand
    private int currentQuantity;

    // Safety stock level
    private int safetyStockLevel;

    // Name of the warehouse
    private String warehouseName;

    // Unit of measure
    private String unit;

    // Storage location code
    private String locationCode;
}
