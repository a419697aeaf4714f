package com.wms.inventory;

import com.wms.basics.*;
import com.wms.crm.OwnerUser;

/** Warehouse from the WMS service */
public class Warehouse {
    private String warehouseCode;
    private OwnerUser owner;
    private Area area;
}
