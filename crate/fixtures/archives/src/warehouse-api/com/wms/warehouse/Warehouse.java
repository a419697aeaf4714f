package com.wms.warehouse;

import com.wms.basics.WarehouseArea;
import com.wms.crm.OwnerUser;
import com.wms.warehouse.annotation.NotNull;
import java.util.List;

/** Warehouse */
public class Warehouse {
    private static final long serialVersionUID = 1L;

    // primary key
    private long id;

    // warehouse name
    @NotNull
    private String warehouseName;

    // owner of the warehouse
    private OwnerUser owner;

    // areas in the warehouse
    private List<WarehouseArea> areas;
}
