package com.acme.beta;

import java.util.HashMap;
import java.util.Map;
import java.util.UUID;

/**
 * Issues opaque session handles and expires them after a fixed number of
 * touches, standing in for wall-clock expiry in a deterministic way.
 */
public class SessionBroker {
    private final Map<String, Integer> touchesRemaining = new HashMap<>();
    private final int touchBudget;

    public SessionBroker(int touchBudget) {
        if (touchBudget <= 0) {
            throw new IllegalArgumentException("touch budget must be positive");
        }
        this.touchBudget = touchBudget;
    }

    public String open(String principal) {
        String handle = principal + ":" + UUID.randomUUID();
        touchesRemaining.put(handle, touchBudget);
        return handle;
    }

    public boolean touch(String handle) {
        Integer remaining = touchesRemaining.get(handle);
        if (remaining == null || remaining <= 0) {
            touchesRemaining.remove(handle);
            return false;
        }
        touchesRemaining.put(handle, remaining - 1);
        return true;
    }

    public void close(String handle) {
        touchesRemaining.remove(handle);
    }

    public int activeSessions() {
        touchesRemaining.values().removeIf(remaining -> remaining <= 0);
        return touchesRemaining.size();
    }
}
