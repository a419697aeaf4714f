package com.wms.inventory.dto;

/** SKU summary inside the inventory view */
public class SKUInfo {
    // SKU name
    private String skuName;
    // Name of the owner user
    private String ownName;
}
