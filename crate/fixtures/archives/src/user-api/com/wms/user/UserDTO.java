package com.wms.user;

/** User account */
public class UserDTO {
    private static final long serialVersionUID = 1L;

    // username
    private String name;

    // phone or email
    private String contactInfo;
}
