package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;

public class ShipmentTracker {
    public enum Status { CREATED, IN_TRANSIT, DELIVERED, LOST }

    private final Map<String, Status> statuses = new HashMap<>();
    private int lostCount;

    public void create(String trackingId) {
        Status previous = statuses.putIfAbsent(trackingId, Status.CREATED);
        if (previous != null) {
            throw new IllegalStateException("duplicate shipment " + trackingId);
        }
    }

    public void advance(String trackingId) {
        Status current = statuses.get(trackingId);
        if (current == null) {
            throw new IllegalArgumentException("unknown shipment " + trackingId);
        }
        switch (current) {
            case CREATED:
                statuses.put(trackingId, Status.IN_TRANSIT);
                break;
            case IN_TRANSIT:
                statuses.put(trackingId, Status.DELIVERED);
                break;
            default:
                break;
        }
    }

    public void markLost(String trackingId) {
        Status current = statuses.get(trackingId);
        if (current == Status.DELIVERED) {
            throw new IllegalStateException("delivered shipments cannot be lost");
        }
        statuses.put(trackingId, Status.LOST);
        lostCount++;
    }

    public Status statusOf(String trackingId) {
        return statuses.getOrDefault(trackingId, Status.LOST);
    }

    public int lostShipments() {
        return lostCount;
    }
}
