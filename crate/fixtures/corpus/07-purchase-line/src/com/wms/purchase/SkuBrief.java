package com.wms.purchase;

/** SKU summary */
public class SkuBrief {
    private static final long serialVersionUID = 1L;

    // SKU code
    private String skuCode;

    // SKU name
    private String skuName;
}
