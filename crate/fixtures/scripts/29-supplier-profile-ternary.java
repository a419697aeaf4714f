SupplierProfileVO profile = new SupplierProfileVO();
profile.setSupplierName(supplierDTO.getSupplierName() != null ? supplierDTO.getSupplierName() : null);
profile.setContactPerson(supplierDTO.getContactPerson() != null ? supplierDTO.getContactPerson() : null);
if (supplierDTO.getAddress() != null) {
    profile.setCity(supplierDTO.getAddress().getCity() != null ? supplierDTO.getAddress().getCity() : null);
    profile.setStreet(supplierDTO.getAddress().getStreet() != null ? supplierDTO.getAddress().getStreet() : null);
}
return profile;