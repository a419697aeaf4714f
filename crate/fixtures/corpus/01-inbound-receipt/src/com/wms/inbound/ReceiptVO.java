package com.wms.inbound;

/** Receipt shown on the dock screen */
public class ReceiptVO {
    private static final long serialVersionUID = 1L;

    // Receipt number
    private String receiptNo;

    // Name of the supplier
    private String supplierName;

    // Receiving warehouse code
    private String warehouseCode;

    // Total received quantity
    private int totalQuantity;

    // Number of receipt lines
    private int lineCount;
}
