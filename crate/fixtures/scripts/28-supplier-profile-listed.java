List<SupplierProfileVO> results = new ArrayList<>();
for (int i = 0; i < 3; i++) {
    SupplierProfileVO profile = new SupplierProfileVO();
    profile.setSupplierName(supplierDTO.getSupplierName());
    profile.setContactPerson(supplierDTO.getContactPerson());
    if (supplierDTO.getAddress() != null) {
        profile.setCity(supplierDTO.getAddress().getCity());
        profile.setStreet(supplierDTO.getAddress().getStreet());
    }
    results.add(profile);
}
return results;
