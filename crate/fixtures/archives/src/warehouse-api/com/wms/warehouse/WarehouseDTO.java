package com.wms.warehouse;

import com.wms.warehouse.annotation.NotNull;

/** Warehouse summary */
public class WarehouseDTO {
    private static final long serialVersionUID = 1L;

    // Inventory identifier
    private int inventoryId;

    // Location of the warehouse
    @NotNull
    private String warehouseLocation;

    // Name of the warehouse manager
    private String managerName;
}
