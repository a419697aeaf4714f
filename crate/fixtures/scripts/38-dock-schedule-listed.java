List<DockScheduleVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    DockScheduleVO row = new DockScheduleVO();
    row.setAppointmentNo(appointmentDTO.getAppointmentNo());
    row.setCarrierName(appointmentDTO.getCarrierName());
    row.setDockCode(dockDTO.getDockCode());
    String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
    row.setTimeWindow(window);
    results.add(row);
}
return results;
