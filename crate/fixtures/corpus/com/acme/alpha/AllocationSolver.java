package com.acme.alpha;

import java.util.LinkedHashMap;
import java.util.Map;

/**
 * Greedy allocator: splits a requested quantity across warehouses in
 * priority order, never exceeding per-site availability.
 */
public class AllocationSolver {
    private final Map<String, Integer> available = new LinkedHashMap<>();

    public void setAvailability(String warehouse, int units) {
        if (units < 0) {
            throw new IllegalArgumentException("availability cannot be negative");
        }
        available.put(warehouse, units);
    }

    public Map<String, Integer> allocate(int requested) {
        Map<String, Integer> allocation = new LinkedHashMap<>();
        int remaining = requested;
        for (Map.Entry<String, Integer> site : available.entrySet()) {
            if (remaining == 0) {
                break;
            }
            int take = Math.min(remaining, site.getValue());
            if (take > 0) {
                allocation.put(site.getKey(), take);
                remaining -= take;
            }
        }
        if (remaining > 0) {
            throw new IllegalStateException(remaining + " units unallocatable");
        }
        return allocation;
    }

    public int totalAvailable() {
        int total = 0;
        for (int units : available.values()) {
            total += units;
        }
        return total;
    }

    public boolean canSatisfy(int requested) {
        return requested <= totalAvailable();
    }
}
