package com.wms.shipping;

/** Shipment tracking view */
public class ShipmentVO {
    private static final long serialVersionUID = 1L;

    // Tracking number
    private String trackingNo;

    // Destination city
    private String destination;

    // Gross weight in kilograms
    private double weightKg;

    // Code of the carrier
    private String carrierCode;

    // Hotline of the carrier
    private String carrierHotline;
}
