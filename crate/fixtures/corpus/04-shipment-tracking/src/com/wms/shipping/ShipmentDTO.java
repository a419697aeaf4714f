package com.wms.shipping;

/** Shipment */
public class ShipmentDTO {
    private static final long serialVersionUID = 1L;

    // Tracking number
    private String trackingNo;

    // Destination city
    private String destination;

    // Gross weight in kilograms
    private double weightKg;
}
