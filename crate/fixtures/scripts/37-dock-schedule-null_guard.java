DockScheduleVO row = new DockScheduleVO();
if (appointmentDTO == null) {
    return row;
}
row.setAppointmentNo(appointmentDTO.getAppointmentNo());
row.setCarrierName(appointmentDTO.getCarrierName());
row.setDockCode(dockDTO.getDockCode());
String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
row.setTimeWindow(window);
return row;