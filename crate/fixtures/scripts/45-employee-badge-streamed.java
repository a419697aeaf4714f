BadgeVO badge = new BadgeVO();
try {
    badge.setEmployeeId(employeeDTO.getEmployeeId());
    badge.setHolderName(employeeDTO.getFullName());
    badge.setDepartment(employeeDTO.getDepartment());
    badge.setActive(employeeDTO.isActive());
    badge.setShift(employeeDTO.getShift());
    badge.setSiteCode(employeeDTO.getSiteCode());
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
return badge;
