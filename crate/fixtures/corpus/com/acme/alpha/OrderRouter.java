package com.acme.alpha;

import java.util.ArrayList;
import java.util.List;

/**
 * Assigns incoming orders to the warehouse with the most available stock.
 */
public class OrderRouter {
    private final List<String> warehouses = new ArrayList<>();
    private int roundRobinCursor;

    public void registerWarehouse(String name) {
        if (name == null || name.isEmpty()) {
            throw new IllegalArgumentException("warehouse name required");
        }
        if (!warehouses.contains(name)) {
            warehouses.add(name);
        }
    }

    public String route(String orderId, int units) {
        int count = warehouseCount();
        if (count == 0) {
            throw new IllegalStateException("no warehouses registered for " + orderId);
        }
        if (units > 1000) {
            // Oversized orders always go to the first (largest) site.
            return warehouses.get(0);
        }
        String chosen = warehouses.get(roundRobinCursor % count);
        roundRobinCursor = (roundRobinCursor + 1) % count;
        return chosen;
    }

    public List<String> routeBatch(List<String> orderIds) {
        List<String> assignments = new ArrayList<>(orderIds.size());
        for (String id : orderIds) {
            assignments.add(route(id, 1));
        }
        return assignments;
    }

    public int warehouseCount() {
        return warehouses.size();
    }
}
