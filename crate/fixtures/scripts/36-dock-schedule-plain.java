DockScheduleVO row = new DockScheduleVO();
row.setAppointmentNo(appointmentDTO.getAppointmentNo());
row.setCarrierName(appointmentDTO.getCarrierName());
row.setDockCode(dockDTO.getDockCode());
String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
row.setTimeWindow(window);
return row;