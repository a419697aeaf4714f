package com.wms.basics;

/** Storage location */
public class WarehouseLocation {
    private static final long serialVersionUID = 1L;

    // location code
    private String locationCode;

    // capacity in pallets
    private int capacity;

    // width, depth and height
    private double[] dimensions;
}
