package com.wms.staff;

/** Printed badge */
public class BadgeVO {
    private static final long serialVersionUID = 1L;

    // Employee id
    private long employeeId;

    // Full name of the badge holder
    private String holderName;

    // Department
    private String department;

    // Whether the employee is active
    private boolean active;

    // Work shift
    private String shift;

    // Site the employee works at
    private String siteCode;
}
