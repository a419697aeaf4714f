package com.wms.outbound;

/** Outbound order header */
public class OutboundOrderDTO {
    private static final long serialVersionUID = 1L;

    // Outbound order number
    private String orderNo;

    // Shipping warehouse code
    private String warehouseCode;

    // Number of items
    private int itemCount;
}
