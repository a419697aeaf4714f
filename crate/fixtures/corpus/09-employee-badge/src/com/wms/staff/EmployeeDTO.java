package com.wms.staff;

/** Warehouse employee */
public class EmployeeDTO {
    private static final long serialVersionUID = 1L;

    // Employee id
    private long employeeId;

    // Full name of the employee
    private String fullName;

    // Department
    private String department;

    // Whether the employee is active
    private boolean active;

    // Work shift
    private String shift;

    // Site the employee works at
    private String siteCode;
}
