package com.wms.basics;

import java.util.List;
import java.util.Map;

/** Dock */
public class Dock {
    private static final long serialVersionUID = 1L;

    // dock code
    private String dockCode;

    // slot occupancy
    private Map<String, Integer> slots;

    // nearby areas
    private List<? extends Area> nearby;

    // grid cells
    private long[][] grid;
}
