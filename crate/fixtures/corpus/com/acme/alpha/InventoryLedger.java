package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;

/**
 * Running per-SKU quantity ledger with a simple audit counter.
 */
public class InventoryLedger {
    private final Map<String, Integer> quantities = new HashMap<>();
    private long mutationCount;

    public void receive(String sku, int amount) {
        if (amount <= 0) {
            throw new IllegalArgumentException("amount must be positive: " + amount);
        }
        int current = quantities.getOrDefault(sku, 0);
        quantities.put(sku, current + amount);
        mutationCount++;
    }

    public boolean release(String sku, int amount) {
        int current = quantities.getOrDefault(sku, 0);
        if (current < amount) {
            return false;
        }
        if (current == amount) {
            quantities.remove(sku);
        } else {
            quantities.put(sku, current - amount);
        }
        mutationCount++;
        return true;
    }

    public int onHand(String sku) {
        return quantities.getOrDefault(sku, 0);
    }

    public int totalUnits() {
        int total = 0;
        for (int q : quantities.values()) {
            total += q;
        }
        return total;
    }

    public long auditMutations() {
        long snapshot = mutationCount;
        if (snapshot < 0) {
            throw new IllegalStateException("mutation counter overflow");
        }
        return snapshot;
    }
}
