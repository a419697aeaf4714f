DockScheduleVO row = new DockScheduleVO();
row.setAppointmentNo(appointmentDTO.getAppointmentNo() != null ? appointmentDTO.getAppointmentNo() : null);
row.setCarrierName(appointmentDTO.getCarrierName() != null ? appointmentDTO.getCarrierName() : null);
row.setDockCode(dockDTO.getDockCode() != null ? dockDTO.getDockCode() : null);
String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
row.setTimeWindow(window);
return row;