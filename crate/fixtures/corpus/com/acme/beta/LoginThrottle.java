package com.acme.beta;

import java.util.HashMap;
import java.util.Map;

/**
 * Per-account failed-attempt counter with exponential lockout windows.
 * Windows are expressed in abstract ticks supplied by the caller.
 */
public class LoginThrottle {
    private final Map<String, Integer> failures = new HashMap<>();
    private final Map<String, Long> lockedUntilTick = new HashMap<>();

    public boolean isLocked(String account, long nowTick) {
        Long until = lockedUntilTick.get(account);
        return until != null && nowTick < until;
    }

    public void recordFailure(String account, long nowTick) {
        int count = failures.getOrDefault(account, 0) + 1;
        failures.put(account, count);
        if (count >= 3) {
            long window = 1L << Math.min(count - 3, 12);
            lockedUntilTick.put(account, nowTick + window);
        }
    }

    public void recordSuccess(String account) {
        failures.remove(account);
        lockedUntilTick.remove(account);
    }

    public long remainingLock(String account, long nowTick) {
        Long until = lockedUntilTick.get(account);
        if (until == null || until <= nowTick) {
            return 0;
        }
        return until - nowTick;
    }
}
