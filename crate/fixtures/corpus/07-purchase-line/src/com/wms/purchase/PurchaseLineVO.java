package com.wms.purchase;

/** Purchase line view */
public class PurchaseLineVO {
    private static final long serialVersionUID = 1L;

    // Line number
    private int lineNo;

    // Ordered quantity
    private int orderedQty;

    // Unit price
    private double unitPrice;

    // SKU summary
    private SkuBrief sku;
}
