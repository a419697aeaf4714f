package com.wms.inventory.dto;

/**
 * Inventory view returned to the client.
 */
public class InventoryResponseDTO {
    // Name of the warehouse
    private String warehouseName;
    // Inventory name
    private String name;
    // Stock available
    private int availableQuantity;
    // SKU details
    private SKUInfo sku;
}
