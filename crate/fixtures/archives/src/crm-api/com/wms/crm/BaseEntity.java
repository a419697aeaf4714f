package com.wms.crm;

import java.time.LocalDateTime;

/** Common entity columns */
public class BaseEntity {
    private static final long serialVersionUID = 1L;

    // primary key
    private long id;

    // creation time
    private LocalDateTime createdAt;
}
