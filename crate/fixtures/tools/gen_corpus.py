#!/usr/bin/env python3
"""Generate the evaluation corpus under fixtures/corpus.

Each entry directory holds:
  task.ccci-task            task definition (project ./src, archives in libs/)
  src/...java               local DTO sources
  libs/<name>.jar           compiled dependency DTOs
  relations.ccci-relations  optional table relations
  reference.txt             hand-written ground-truth script
"""

import os
import shutil
import sys

sys.path.insert(0, os.path.dirname(__file__))

import gen_archives as ga  # noqa: E402

HERE = os.path.dirname(os.path.abspath(__file__))
CORPUS = os.path.join(HERE, "..", "corpus")

S = "java.lang.String"


def f(t, name, comment):
    return (t, name, comment, [])


ENTRIES = [
    dict(
        id="01-inbound-receipt",
        title="Inbound receipt view",
        local=[
            dict(fqn="com.wms.inbound.ReceiptDTO", comment="Inbound receipt", fields=[
                f(S, "receiptNo", "Receipt number"),
                f(S, "supplierName", "Name of the supplier"),
                f(S, "warehouseCode", "Receiving warehouse code"),
                f("int", "totalQuantity", "Total received quantity"),
                f("int", "lineCount", "Number of receipt lines"),
                f(S, "remark", "Free remark"),
            ]),
            dict(fqn="com.wms.inbound.ReceiptVO", comment="Receipt shown on the dock screen", fields=[
                f(S, "receiptNo", "Receipt number"),
                f(S, "supplierName", "Name of the supplier"),
                f(S, "warehouseCode", "Receiving warehouse code"),
                f("int", "totalQuantity", "Total received quantity"),
                f("int", "lineCount", "Number of receipt lines"),
            ]),
        ],
        libs={},
        inputs=["ReceiptDTO"],
        output="ReceiptVO",
        reference="""\
ReceiptVO receiptVO = new ReceiptVO();
receiptVO.setReceiptNo(receiptDTO.getReceiptNo());
receiptVO.setSupplierName(receiptDTO.getSupplierName());
receiptVO.setWarehouseCode(receiptDTO.getWarehouseCode());
receiptVO.setTotalQuantity(receiptDTO.getTotalQuantity());
receiptVO.setLineCount(receiptDTO.getLineCount());
return receiptVO;
""",
    ),
    dict(
        id="02-inventory-response",
        title="Inventory response assembled from local and external DTOs",
        local=[
            dict(fqn="com.wms.inventory.dto.InventoryInfoDTO", comment="The inventory information", fields=[
                f(S, "warehouseName", "Name of the warehouse"),
                f(S, "inventoryName", "Name of the inventory"),
                f("int", "availableQuantity", "Stock available"),
            ]),
            dict(fqn="com.wms.inventory.dto.InventoryResponseDTO", comment="Inventory view returned to the client", fields=[
                f(S, "warehouseName", "Name of the warehouse"),
                f(S, "name", "Inventory name"),
                f("int", "availableQuantity", "Stock available"),
                f("com.wms.inventory.dto.SKUInfo", "sku", "SKU details"),
            ]),
            dict(fqn="com.wms.inventory.dto.SKUInfo", comment="SKU summary inside the inventory view", fields=[
                f(S, "skuName", "SKU name"),
                f(S, "ownName", "Name of the owner user"),
            ]),
        ],
        libs={
            "goods-api": [
                dict(fqn="com.wms.goods.SKUInfoDTO", comment="SKU information for goods", fields=[
                    f("int", "inventoryId", "Inventory identifier"),
                    f(S, "skuName", "Name of the SKU"),
                    f("com.wms.user.UserDTO", "user", "Owner user of the SKU"),
                ]),
            ],
            "user-api": [
                dict(fqn="com.wms.user.UserDTO", comment="User account", fields=[
                    f(S, "name", "username"),
                    f(S, "contactInfo", "phone or email"),
                ]),
            ],
        },
        inputs=["InventoryInfoDTO", "SKUInfoDTO"],
        output="InventoryResponseDTO",
        relations="""\
Warehouse Domain:
- warehouse (Warehouse)
  |-> inventory (Inventory): 1:N relationship
- sku (SKU)
  |-> inventory (Inventory): 1:N relationship
""",
        reference="""\
InventoryResponseDTO response = new InventoryResponseDTO();
response.setWarehouseName(inventoryInfoDTO.getWarehouseName());
response.setName(inventoryInfoDTO.getInventoryName());
response.setAvailableQuantity(inventoryInfoDTO.getAvailableQuantity());
SKUInfo sku = new SKUInfo();
sku.setSkuName(skuInfoDTO.getSkuName());
sku.setOwnName(skuInfoDTO.getUser().getName());
response.setSku(sku);
return response;
""",
    ),
    dict(
        id="03-outbound-order",
        title="Outbound order with customer contact",
        local=[
            dict(fqn="com.wms.outbound.OutboundOrderDTO", comment="Outbound order header", fields=[
                f(S, "orderNo", "Outbound order number"),
                f(S, "warehouseCode", "Shipping warehouse code"),
                f("int", "itemCount", "Number of items"),
            ]),
            dict(fqn="com.wms.outbound.OutboundOrderVO", comment="Outbound order for the picking screen", fields=[
                f(S, "orderNo", "Outbound order number"),
                f(S, "warehouseCode", "Shipping warehouse code"),
                f("int", "itemCount", "Number of items"),
                f(S, "customerName", "Name of the customer"),
                f(S, "customerPhone", "Phone of the customer"),
            ]),
        ],
        libs={
            "crm-api": [
                dict(fqn="com.wms.crm.CustomerDTO", comment="Customer", fields=[
                    f("long", "customerId", "customer id"),
                    f(S, "customerName", "customer name"),
                    f(S, "phone", "contact phone"),
                    f(S, "level", "customer level"),
                ]),
            ],
        },
        inputs=["OutboundOrderDTO", "CustomerDTO"],
        output="OutboundOrderVO",
        relations="""\
Order Domain:
- customer (Customer)
  |-> outbound_order (Outbound Order): 1:N relationship
""",
        reference="""\
OutboundOrderVO orderVO = new OutboundOrderVO();
orderVO.setOrderNo(outboundOrderDTO.getOrderNo());
orderVO.setWarehouseCode(outboundOrderDTO.getWarehouseCode());
orderVO.setItemCount(outboundOrderDTO.getItemCount());
orderVO.setCustomerName(customerDTO.getCustomerName());
orderVO.setCustomerPhone(customerDTO.getPhone());
return orderVO;
""",
    ),
    dict(
        id="04-shipment-tracking",
        title="Shipment tracking with carrier details",
        local=[
            dict(fqn="com.wms.shipping.ShipmentDTO", comment="Shipment", fields=[
                f(S, "trackingNo", "Tracking number"),
                f(S, "destination", "Destination city"),
                f("double", "weightKg", "Gross weight in kilograms"),
            ]),
            dict(fqn="com.wms.shipping.ShipmentVO", comment="Shipment tracking view", fields=[
                f(S, "trackingNo", "Tracking number"),
                f(S, "destination", "Destination city"),
                f("double", "weightKg", "Gross weight in kilograms"),
                f(S, "carrierCode", "Code of the carrier"),
                f(S, "carrierHotline", "Hotline of the carrier"),
            ]),
        ],
        libs={
            "carrier-api": [
                dict(fqn="com.wms.carrier.CarrierDTO", comment="Carrier", fields=[
                    f(S, "code", "carrier code"),
                    f(S, "name", "carrier name"),
                    f(S, "hotline", "service hotline"),
                ]),
            ],
        },
        inputs=["ShipmentDTO", "CarrierDTO"],
        output="ShipmentVO",
        reference="""\
ShipmentVO shipmentVO = new ShipmentVO();
shipmentVO.setTrackingNo(shipmentDTO.getTrackingNo());
shipmentVO.setDestination(shipmentDTO.getDestination());
shipmentVO.setWeightKg(shipmentDTO.getWeightKg());
shipmentVO.setCarrierCode(carrierDTO.getCode());
shipmentVO.setCarrierHotline(carrierDTO.getHotline());
return shipmentVO;
""",
    ),
    dict(
        id="05-stock-alert",
        title="Low stock alert",
        local=[
            dict(fqn="com.wms.stock.StockDTO", comment="Stock of one SKU in one warehouse", fields=[
                f(S, "skuCode", "SKU code"),
                f("int", "quantity", "Quantity on hand"),
                f("int", "safetyStock", "Safety stock level"),
                f(S, "warehouseName", "Name of the warehouse"),
                f(S, "unit", "Unit of measure"),
                f(S, "locationCode", "Storage location code"),
            ]),
            dict(fqn="com.wms.stock.StockAlertVO", comment="Alert raised when stock runs low", fields=[
                f(S, "skuCode", "SKU code"),
                f("int", "currentQuantity", "Quantity on hand"),
                f("int", "safetyStockLevel", "Safety stock level"),
                f(S, "warehouseName", "Name of the warehouse"),
                f(S, "unit", "Unit of measure"),
                f(S, "locationCode", "Storage location code"),
            ]),
        ],
        libs={},
        inputs=["StockDTO"],
        output="StockAlertVO",
        reference="""\
StockAlertVO alert = new StockAlertVO();
alert.setSkuCode(stockDTO.getSkuCode());
alert.setCurrentQuantity(stockDTO.getQuantity());
alert.setSafetyStockLevel(stockDTO.getSafetyStock());
alert.setWarehouseName(stockDTO.getWarehouseName());
alert.setUnit(stockDTO.getUnit());
alert.setLocationCode(stockDTO.getLocationCode());
return alert;
""",
    ),
    dict(
        id="06-supplier-profile",
        title="Supplier profile flattened from supplier master data",
        local=[
            dict(fqn="com.wms.purchase.SupplierProfileVO", comment="Supplier profile card", fields=[
                f(S, "supplierName", "Name of the supplier"),
                f(S, "contactPerson", "Contact person"),
                f(S, "city", "City of the supplier address"),
                f(S, "street", "Street of the supplier address"),
            ]),
        ],
        libs={
            "supplier-api": [
                dict(fqn="com.wms.supplier.SupplierDTO", comment="Supplier", fields=[
                    f(S, "supplierName", "supplier name"),
                    f(S, "contactPerson", "contact person"),
                    f("com.wms.supplier.AddressDTO", "address", "registered address"),
                ]),
                dict(fqn="com.wms.supplier.AddressDTO", comment="Address", fields=[
                    f(S, "city", "city"),
                    f(S, "street", "street"),
                    f(S, "zipCode", "zip code"),
                ]),
            ],
        },
        inputs=["SupplierDTO"],
        output="SupplierProfileVO",
        reference="""\
SupplierProfileVO profile = new SupplierProfileVO();
profile.setSupplierName(supplierDTO.getSupplierName());
profile.setContactPerson(supplierDTO.getContactPerson());
if (supplierDTO.getAddress() != null) {
    profile.setCity(supplierDTO.getAddress().getCity());
    profile.setStreet(supplierDTO.getAddress().getStreet());
}
return profile;
""",
    ),
    dict(
        id="07-purchase-line",
        title="Purchase line with SKU summary",
        local=[
            dict(fqn="com.wms.purchase.PurchaseLineDTO", comment="Purchase order line", fields=[
                f("int", "lineNo", "Line number"),
                f("int", "orderedQty", "Ordered quantity"),
                f("double", "unitPrice", "Unit price"),
            ]),
            dict(fqn="com.wms.purchase.PurchaseLineVO", comment="Purchase line view", fields=[
                f("int", "lineNo", "Line number"),
                f("int", "orderedQty", "Ordered quantity"),
                f("double", "unitPrice", "Unit price"),
                f("com.wms.purchase.SkuBrief", "sku", "SKU summary"),
            ]),
            dict(fqn="com.wms.purchase.SkuBrief", comment="SKU summary", fields=[
                f(S, "skuCode", "SKU code"),
                f(S, "skuName", "SKU name"),
            ]),
        ],
        libs={
            "catalog-api": [
                dict(fqn="com.wms.catalog.SkuItemDTO", comment="Catalog SKU", fields=[
                    f(S, "skuCode", "sku code"),
                    f(S, "skuName", "sku name"),
                    f(S, "barcode", "barcode"),
                ]),
            ],
        },
        inputs=["PurchaseLineDTO", "SkuItemDTO"],
        output="PurchaseLineVO",
        reference="""\
PurchaseLineVO lineVO = new PurchaseLineVO();
lineVO.setLineNo(purchaseLineDTO.getLineNo());
lineVO.setOrderedQty(purchaseLineDTO.getOrderedQty());
lineVO.setUnitPrice(purchaseLineDTO.getUnitPrice());
SkuBrief sku = new SkuBrief();
sku.setSkuCode(skuItemDTO.getSkuCode());
sku.setSkuName(skuItemDTO.getSkuName());
lineVO.setSku(sku);
return lineVO;
""",
    ),
    dict(
        id="08-dock-schedule",
        title="Dock appointment schedule",
        local=[
            dict(fqn="com.wms.yard.AppointmentDTO", comment="Dock appointment", fields=[
                f(S, "appointmentNo", "Appointment number"),
                f(S, "carrierName", "Name of the carrier"),
                f(S, "startTime", "Start of the slot"),
                f(S, "endTime", "End of the slot"),
            ]),
            dict(fqn="com.wms.yard.DockScheduleVO", comment="Dock schedule row", fields=[
                f(S, "appointmentNo", "Appointment number"),
                f(S, "carrierName", "Name of the carrier"),
                f(S, "dockCode", "Dock code"),
                f(S, "timeWindow", "Slot as start-end"),
            ]),
        ],
        libs={
            "yard-api": [
                dict(fqn="com.wms.yard.api.DockDTO", comment="Dock", fields=[
                    f(S, "dockCode", "dock code"),
                    f(S, "dockName", "dock name"),
                    f("int", "doors", "number of doors"),
                ]),
            ],
        },
        inputs=["AppointmentDTO", "DockDTO"],
        output="DockScheduleVO",
        reference="""\
DockScheduleVO row = new DockScheduleVO();
row.setAppointmentNo(appointmentDTO.getAppointmentNo());
row.setCarrierName(appointmentDTO.getCarrierName());
row.setDockCode(dockDTO.getDockCode());
String window = appointmentDTO.getStartTime() + "-" + appointmentDTO.getEndTime();
row.setTimeWindow(window);
return row;
""",
    ),
    dict(
        id="09-employee-badge",
        title="Employee badge",
        local=[
            dict(fqn="com.wms.staff.EmployeeDTO", comment="Warehouse employee", fields=[
                f("long", "employeeId", "Employee id"),
                f(S, "fullName", "Full name of the employee"),
                f(S, "department", "Department"),
                f("boolean", "active", "Whether the employee is active"),
                f(S, "shift", "Work shift"),
                f(S, "siteCode", "Site the employee works at"),
            ]),
            dict(fqn="com.wms.staff.BadgeVO", comment="Printed badge", fields=[
                f("long", "employeeId", "Employee id"),
                f(S, "holderName", "Full name of the badge holder"),
                f(S, "department", "Department"),
                f("boolean", "active", "Whether the employee is active"),
                f(S, "shift", "Work shift"),
                f(S, "siteCode", "Site the employee works at"),
            ]),
        ],
        libs={},
        inputs=["EmployeeDTO"],
        output="BadgeVO",
        reference="""\
BadgeVO badge = new BadgeVO();
badge.setEmployeeId(employeeDTO.getEmployeeId());
badge.setHolderName(employeeDTO.getFullName());
badge.setDepartment(employeeDTO.getDepartment());
badge.setActive(employeeDTO.isActive());
badge.setShift(employeeDTO.getShift());
badge.setSiteCode(employeeDTO.getSiteCode());
return badge;
""",
    ),
    dict(
        id="10-cycle-count",
        title="Cycle count result with variance",
        local=[
            dict(fqn="com.wms.count.CycleCountVO", comment="Cycle count result", fields=[
                f(S, "taskNo", "Count task number"),
                f(S, "locationCode", "Counted location"),
                f("int", "expectedQty", "Expected quantity"),
                f("int", "countedQty", "Counted quantity"),
                f("int", "variance", "Counted minus expected"),
            ]),
        ],
        libs={
            "count-api": [
                dict(fqn="com.wms.count.api.CountTaskDTO", comment="Count task", fields=[
                    f(S, "taskNo", "task number"),
                    f(S, "locationCode", "location code"),
                    f("int", "expectedQty", "expected quantity"),
                    f("int", "countedQty", "counted quantity"),
                ]),
            ],
        },
        inputs=["CountTaskDTO"],
        output="CycleCountVO",
        reference="""\
CycleCountVO result = new CycleCountVO();
result.setTaskNo(countTaskDTO.getTaskNo());
result.setLocationCode(countTaskDTO.getLocationCode());
result.setExpectedQty(countTaskDTO.getExpectedQty());
result.setCountedQty(countTaskDTO.getCountedQty());
result.setVariance(countTaskDTO.getCountedQty() - countTaskDTO.getExpectedQty());
return result;
""",
    ),
]

HARNESS = """\
# {javalite} is supplied by the runner
compile = "{javalite} compile --workspace {workspace} --script {script}"
test = "{javalite} test --workspace {workspace} --script {script}"
compile_timeout = 60
test_timeout = 60
"""


def task_text(e):
    lines = ["# " + e["title"], "Task Overview:", "Given the following project ./src",
             "Generate Java code to transform Input DTOs into Output DTO."]
    lines += ["- Dependency: libs/%s.jar" % name for name in e["libs"]]
    lines += ["", "Input/Output Description:"]
    lines += ["- Input: " + i for i in e["inputs"]]
    lines += ["- Output: " + e["output"], "", "Additional Context:", ""]
    return "\n".join(lines)


def main():
    if os.path.isdir(CORPUS):
        shutil.rmtree(CORPUS)
    os.makedirs(CORPUS)
    with open(os.path.join(CORPUS, "harness.toml"), "w") as fh:
        fh.write(HARNESS)
    for e in ENTRIES:
        n = len(e["reference"].rstrip("\n"))
        assert 300 <= n <= 700, (e["id"], n)
        d = os.path.join(CORPUS, e["id"])
        os.makedirs(os.path.join(d, "libs"))
        for spec in e["local"]:
            path = os.path.join(d, "src", ga.internal(spec["fqn"]) + ".java")
            os.makedirs(os.path.dirname(path), exist_ok=True)
            with open(path, "w") as fh:
                fh.write(ga.java_source(spec))
        for name, specs in e["libs"].items():
            ga.write_jar(os.path.join(d, "libs", name + ".jar"), [ga.dto_class(s) for s in specs])
        with open(os.path.join(d, "task.ccci-task"), "w") as fh:
            fh.write(task_text(e))
        with open(os.path.join(d, "reference.txt"), "w") as fh:
            fh.write(e["reference"].rstrip("\n"))
        if e.get("relations"):
            with open(os.path.join(d, "relations.ccci-relations"), "w") as fh:
                fh.write(e["relations"])


if __name__ == "__main__":
    main()
