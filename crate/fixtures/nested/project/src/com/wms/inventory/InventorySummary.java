package com.wms.inventory;

/** Flat inventory summary */
public class InventorySummary {
    private String skuCode;
    private String warehouseCode;
    private String ownerName;
}
