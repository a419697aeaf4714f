package com.wms.purchase;

/** Purchase order line */
public class PurchaseLineDTO {
    private static final long serialVersionUID = 1L;

    // Line number
    private int lineNo;

    // Ordered quantity
    private int orderedQty;

    // Unit price
    private double unitPrice;
}
