package com.wms.basics;

import java.util.List;

/** Paged response wrapper */
public class ResponseList<T> {
    private static final long serialVersionUID = 1L;

    // total count
    private int total;

    // items of the page
    private List<T> items;
}
