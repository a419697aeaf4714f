package com.wms.yard;

/** Dock schedule row */
public class DockScheduleVO {
    private static final long serialVersionUID = 1L;

    // Appointment number
    private String appointmentNo;

    // Name of the carrier
    private String carrierName;

    // Dock code
    private String dockCode;

    // Slot as start-end
    private String timeWindow;
}
