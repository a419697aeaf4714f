package com.wms.goods;

import java.math.BigDecimal;
import java.util.List;

/** SKU for goods */
public class SkuDTO {
    private static final long serialVersionUID = 1L;

    // name of inventory
    private String inventoryName;

    // owner name
    private String ownName;

    // unit price
    private BigDecimal price;

    // barcodes printed on the package
    private List<String> barcodes;
}
