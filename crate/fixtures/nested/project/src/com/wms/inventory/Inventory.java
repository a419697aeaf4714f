package com.wms.inventory;

/** Inventory of one SKU in one warehouse */
public class Inventory {
    private long id;
    // stock keeping unit
    private Sku sku;
    // warehouse holding the stock
    private Warehouse warehouse;
}
