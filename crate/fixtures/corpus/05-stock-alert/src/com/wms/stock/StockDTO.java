package com.wms.stock;

/** Stock of one SKU in one warehouse */
public class StockDTO {
    private static final long serialVersionUID = 1L;

    // SKU code
    private String skuCode;

    // Quantity on hand
    private int quantity;

    // Safety stock level
    private int safetyStock;

    // Name of the warehouse
    private String warehouseName;

    // Unit of measure
    private String unit;

    // Storage location code
    private String locationCode;
}
