DockScheduleVO row = new DockScheduleVO();
try {
    row.setAppointmentNo(appointmentDTO.getAppointmentNo());
    row.setCarrierName(appointmentDTO.getCarrierName());
    row.setDockCode(dockDTO.getDockCode());
    String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
    row.setTimeWindow(window);
} catch (RuntimeException e) {
    throw new IllegalStateException("mapping failed", e);
}
List<String> tags = Stream.of("a", "b").map(s -> s.toUpperCase()).collect(Collectors.toList());
switch (tags.size()) {
    case 0:
        break;
    default:
        tags.forEach(t -> System.out.println(t));
}
return row;
