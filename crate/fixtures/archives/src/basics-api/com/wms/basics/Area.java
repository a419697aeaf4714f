package com.wms.basics;

/** Area Info */
public class Area {
    private static final long serialVersionUID = 1L;

    // area code
    private String areaCode;

    // area name
    private String areaName;
}
