package com.wms.inventory.dto;

/** The inventory information */
public class InventoryInfoDTO {
    private static final long serialVersionUID = 1L;

    // Name of the warehouse
    private String warehouseName;

    // Name of the inventory
    private String inventoryName;

    // Stock available
    private int availableQuantity;
}
