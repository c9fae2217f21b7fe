package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;

public class ReorderPlanner {
    private final Map<String, Integer> thresholds = new HashMap<>();
    private final Map<String, Integer> batchSizes = new HashMap<>();

    public void configure(String sku, int threshold, int batchSize) {
        if (threshold < 0 || batchSize <= 0) {
            throw new IllegalArgumentException("bad reorder config for " + sku);
        }
        thresholds.put(sku, threshold);
        batchSizes.put(sku, batchSize);
    }

    public int unitsToOrder(String sku, int onHand) {
        Integer threshold = thresholds.get(sku);
        if (threshold == null || onHand > threshold) {
            return 0;
        }
        int batch = batchSizes.getOrDefault(sku, 1);
        int deficit = threshold - onHand;
        int batches = (deficit + batch - 1) / batch;
        return batches * batch;
    }

    public Map<String, Integer> planAll(Map<String, Integer> stockLevels) {
        Map<String, Integer> plan = new HashMap<>();
        for (Map.Entry<String, Integer> entry : stockLevels.entrySet()) {
            int units = unitsToOrder(entry.getKey(), entry.getValue());
            if (units > 0) {
                plan.put(entry.getKey(), units);
            }
        }
        return plan;
    }

    public boolean isConfigured(String sku) {
        return thresholds.containsKey(sku);
    }
}
