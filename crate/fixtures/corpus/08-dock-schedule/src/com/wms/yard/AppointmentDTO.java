package com.wms.yard;

/** Dock appointment */
public class AppointmentDTO {
    private static final long serialVersionUID = 1L;

    // Appointment number
    private String appointmentNo;

    // Name of the carrier
    private String carrierName;

    // Start of the slot
    private String startTime;

    // End of the slot
    private String endTime;
}
