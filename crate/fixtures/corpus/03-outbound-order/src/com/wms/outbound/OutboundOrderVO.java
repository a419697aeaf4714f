package com.wms.outbound;

/** Outbound order for the picking screen */
public class OutboundOrderVO {
    private static final long serialVersionUID = 1L;

    // Outbound order number
    private String orderNo;

    // Shipping warehouse code
    private String warehouseCode;

    // Number of items
    private int itemCount;

    // Name of the customer
    private String customerName;

    // Phone of the customer
    private String customerPhone;
}
