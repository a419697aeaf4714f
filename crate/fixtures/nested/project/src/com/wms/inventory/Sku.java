package com.wms.inventory;

import com.wms.crm.OwnerUser;

/** SKU from the goods module */
public class Sku {
    private String skuCode;
    private OwnerUser owner;
}
