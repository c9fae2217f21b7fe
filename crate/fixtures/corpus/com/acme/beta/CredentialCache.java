package com.acme.beta;

import java.util.LinkedHashMap;
import java.util.Map;

/**
 * Bounded LRU cache of verified credential fingerprints.
 */
public class CredentialCache {
    private final int capacity;
    private final LinkedHashMap<String, String> entries;
    private long hits;
    private long misses;

    public CredentialCache(int capacity) {
        if (capacity <= 0) {
            throw new IllegalArgumentException("capacity must be positive");
        }
        this.capacity = capacity;
        this.entries = new LinkedHashMap<>(16, 0.75f, true);
    }

    public void remember(String principal, String fingerprint) {
        entries.put(principal, fingerprint);
        if (entries.size() > capacity) {
            String eldest = entries.keySet().iterator().next();
            entries.remove(eldest);
        }
    }

    public boolean verify(String principal, String fingerprint) {
        String known = entries.get(principal);
        if (known == null) {
            misses++;
            return false;
        }
        hits++;
        return known.equals(fingerprint);
    }

    public double hitRate() {
        long lookups = hits + misses;
        if (lookups == 0) {
            return 0.0;
        }
        return (double) hits / lookups;
    }

    public int size() {
        return entries.size();
    }
}
