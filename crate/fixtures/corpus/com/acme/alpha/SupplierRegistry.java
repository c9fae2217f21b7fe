package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;
import java.util.Optional;

/**
 * Lookup of suppliers by SKU with a reliability score that decays on
 * every reported failure.
 */
public class SupplierRegistry {
    private final Map<String, String> supplierBySku = new HashMap<>();
    private final Map<String, Double> reliability = new HashMap<>();

    public void register(String supplier, String sku) {
        supplierBySku.put(sku, supplier);
        reliability.putIfAbsent(supplier, 1.0);
    }

    public Optional<String> supplierFor(String sku) {
        return Optional.ofNullable(supplierBySku.get(sku));
    }

    public void reportFailure(String supplier) {
        Double score = reliability.get(supplier);
        if (score == null) {
            return;
        }
        double decayed = score * 0.8;
        reliability.put(supplier, Math.max(decayed, 0.05));
    }

    public void reportSuccess(String supplier) {
        Double score = reliability.get(supplier);
        if (score == null) {
            return;
        }
        double recovered = score + (1.0 - score) * 0.1;
        reliability.put(supplier, Math.min(recovered, 1.0));
    }

    public boolean isTrusted(String supplier) {
        return reliability.getOrDefault(supplier, 0.0) >= 0.5;
    }
}
