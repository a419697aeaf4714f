BadgeVO badge = new BadgeVO();
badge.setEmployeeId(employeeDTO.getEmployeeId() != null ? employeeDTO.getEmployeeId() : null);
badge.setHolderName(employeeDTO.getFullName() != null ? employeeDTO.getFullName() : null);
badge.setDepartment(employeeDTO.getDepartment() != null ? employeeDTO.getDepartment() : null);
badge.setActive(employeeDTO.isActive());
badge.setShift(employeeDTO.getShift() != null ? employeeDTO.getShift() : null);
badge.setSiteCode(employeeDTO.getSiteCode() != null ? employeeDTO.getSiteCode() : null);
return badge;