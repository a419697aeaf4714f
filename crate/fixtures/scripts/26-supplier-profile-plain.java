SupplierProfileVO profile = new SupplierProfileVO();
profile.setSupplierName(supplierDTO.getSupplierName());
profile.setContactPerson(supplierDTO.getContactPerson());
if (supplierDTO.getAddress() != null) {
    profile.setCity(supplierDTO.getAddress().getCity());
    profile.setStreet(supplierDTO.getAddress().getStreet());
}
return profile;