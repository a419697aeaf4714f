package com.wms.crm;

/** Owner user with CRM details */
public class OwnerUser extends BaseEntity {
    private static final long serialVersionUID = 1L;

    // owner name
    private String userName;

    // contact phone
    @Sensitive
    @ApiField(value = "phone", order = 2)
    private String phone;

    // CRM customer level
    private String crmLevel;

    // VIP customer flag
    private Boolean vip;
}
