package com.acme.alpha;

import java.util.HashMap;
import java.util.Map;

/**
 * Grid model of bin locations inside a single warehouse. Locations are
 * encoded as "aisle-shelf" strings.
 */
public class WarehouseMap {
    private final int aisles;
    private final int shelvesPerAisle;
    private final Map<String, String> binContents = new HashMap<>();

    public WarehouseMap(int aisles, int shelvesPerAisle) {
        if (aisles <= 0 || shelvesPerAisle <= 0) {
            throw new IllegalArgumentException("warehouse dimensions must be positive");
        }
        this.aisles = aisles;
        this.shelvesPerAisle = shelvesPerAisle;
    }

    public String locate(String sku) {
        for (Map.Entry<String, String> entry : binContents.entrySet()) {
            if (entry.getValue().equals(sku)) {
                return entry.getKey();
            }
        }
        return null;
    }

    public boolean store(String sku, int aisle, int shelf) {
        String bin = binKey(aisle, shelf);
        if (binContents.containsKey(bin)) {
            return false;
        }
        binContents.put(bin, sku);
        return true;
    }

    private String binKey(int aisle, int shelf) {
        if (aisle < 0 || aisle >= aisles || shelf < 0 || shelf >= shelvesPerAisle) {
            throw new IllegalArgumentException("bin out of bounds");
        }
        return aisle + "-" + shelf;
    }

    public int capacity() {
        return aisles * shelvesPerAisle;
    }

    public int freeBins() {
        return capacity() - binContents.size();
    }
}
