package com.wms.purchase;

/** Supplier profile card */
public class SupplierProfileVO {
    private static final long serialVersionUID = 1L;

    // Name of the supplier
    private String supplierName;

    // Contact person
    private String contactPerson;

    // City of the supplier address
    private String city;

    // Street of the supplier address
    private String street;
}
