BadgeVO badge = new BadgeVO();
badge.setEmployeeId(employeeDTO.getEmployeeId());
badge.setHolderName(employeeDTO.getFullName());
badge.setDepartment(employeeDTO.getDepartment());
badge.setActive(employeeDTO.isActive());
badge.setShift(employeeDTO.getShift());
badge.setSiteCode(employeeDTO.getSiteCode());
return badge;