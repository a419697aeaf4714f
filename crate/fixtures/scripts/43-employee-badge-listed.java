List<BadgeVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    BadgeVO badge = new BadgeVO();
    badge.setEmployeeId(employeeDTO.getEmployeeId());
    badge.setHolderName(employeeDTO.getFullName());
    badge.setDepartment(employeeDTO.getDepartment());
    badge.setActive(employeeDTO.isActive());
    badge.setShift(employeeDTO.getShift());
    badge.setSiteCode(employeeDTO.getSiteCode());
    results.add(badge);
}
return results;
