SupplierProfileVO profile = new SupplierProfileVO();
try {
    profile.setSupplierName(supplierDTO.getSupplierName());
    profile.setContactPerson(supplierDTO.getContactPerson());
    if (supplierDTO.getAddress() != null) {
        profile.setCity(supplierDTO.getAddress().getCity());
        profile.setStreet(supplierDTO.getAddress().getStreet());
    }
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
return profile;
