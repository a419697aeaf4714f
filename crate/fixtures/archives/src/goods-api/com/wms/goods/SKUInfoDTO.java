package com.wms.goods;

import com.wms.goods.annotation.ApiField;
import com.wms.user.UserDTO;

/** SKU information for goods */
public class SKUInfoDTO {
    private static final long serialVersionUID = 1L;

    // Inventory identifier
    private int inventoryId;

    // Name of the SKU
    @ApiField(value = "sku name")
    private String skuName;

    // Owner user identifier
    private int ownerUserId;

    // Owner user of the SKU
    private UserDTO user;
}
