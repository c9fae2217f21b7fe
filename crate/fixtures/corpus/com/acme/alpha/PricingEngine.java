package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;

public class PricingEngine {
    private final Map<String, Long> baseCents = new HashMap<>();
    private double surchargeRate = 0.0;

    public void setBasePrice(String sku, long cents) {
        if (cents < 0) {
            throw new IllegalArgumentException("negative price for " + sku);
        }
        baseCents.put(sku, cents);
    }

    public void setSurchargeRate(double rate) {
        if (rate < 0.0 || rate > 1.0) {
            throw new IllegalArgumentException("rate out of range: " + rate);
        }
        surchargeRate = rate;
    }

    public long quote(String sku, int units) {
        Long base = baseCents.get(sku);
        if (base == null) {
            throw new IllegalStateException("no base price for " + sku);
        }
        long subtotal = base * units;
        long surcharge = Math.round(subtotal * surchargeRate);
        long discounted = applyVolumeDiscount(subtotal + surcharge, units);
        return discounted;
    }

    private long applyVolumeDiscount(long cents, int units) {
        if (units >= 100) {
            return cents * 90 / 100;
        }
        if (units >= 10) {
            return cents * 97 / 100;
        }
        return cents;
    }

    public boolean isPriced(String sku) {
        return baseCents.containsKey(sku);
    }
}
