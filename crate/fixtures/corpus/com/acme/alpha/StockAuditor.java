package com.acme.alpha;

import java.util.ArrayList;
import java.util.List;

/**
 * Compares expected ledger counts against physical counts and records
 * discrepancies for follow-up.
 */
public class StockAuditor {
    private final List<String> discrepancies = new ArrayList<>();
    private int checksPerformed;

    public void check(String sku, int expected, int counted) {
        checksPerformed++;
        if (expected == counted) {
            return;
        }
        int delta = counted - expected;
        String direction = delta > 0 ? "surplus" : "shortage";
        discrepancies.add(sku + ":" + direction + ":" + Math.abs(delta));
    }

    public List<String> pendingDiscrepancies() {
        return new ArrayList<>(discrepancies);
    }

    public void resolve(String sku) {
        discrepancies.removeIf(entry -> entry.startsWith(sku + ":"));
    }

    public double discrepancyRate() {
        if (checksPerformed == 0) {
            return 0.0;
        }
        return (double) discrepancies.size() / checksPerformed;
    }

    public boolean isClean() {
        return discrepancies.isEmpty() && checksPerformed > 0;
    }
}
