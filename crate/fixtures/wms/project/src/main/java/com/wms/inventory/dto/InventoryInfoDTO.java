package com.wms.inventory.dto;

//The inventory information
public class InventoryInfoDTO {
    // Name of the warehouse
    private String warehouseName;
    // Name of the inventory
    private String inventoryName;
    // Stock available
    private int availableQuantity;

    public String getWarehouseName() { return warehouseName; }
    public void setWarehouseName(String warehouseName) { this.warehouseName = warehouseName; }
    public String getInventoryName() { return inventoryName; }
    public void setInventoryName(String inventoryName) { this.inventoryName = inventoryName; }
    public int getAvailableQuantity() { return availableQuantity; }
    public void setAvailableQuantity(int availableQuantity) { this.availableQuantity = availableQuantity; }
}
