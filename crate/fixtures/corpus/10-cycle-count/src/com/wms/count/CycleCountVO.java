package com.wms.count;

/** Cycle count result */
public class CycleCountVO {
    private static final long serialVersionUID = 1L;

    // Count task number
    private String taskNo;

    // Counted location
    private String locationCode;

    // Expected quantity
    private int expectedQty;

    // Counted quantity
    private int countedQty;

    // Counted minus expected
    private int variance;
}
