package com.wms.basics;

import java.util.List;
import java.util.Optional;

/** Area Info */
public class WarehouseArea {
    private static final long serialVersionUID = 1L;

    // area name
    private String areaName;

    // locations inside the area
    private List<WarehouseLocation> locations;

    // free remark
    private Optional<String> remark;
}
