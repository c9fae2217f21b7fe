package com.acme.util;

/**
 * Deterministic exponential backoff with a ceiling; no jitter so retry
 * schedules are reproducible in tests.
 */
public class BackoffPolicy {
    private final long baseMillis;
    private final long maxMillis;
    private int attempt;

    public BackoffPolicy(long baseMillis, long maxMillis) {
        if (baseMillis <= 0 || maxMillis < baseMillis) {
            throw new IllegalArgumentException("invalid backoff bounds");
        }
        this.baseMillis = baseMillis;
        this.maxMillis = maxMillis;
    }

    public long nextDelay() {
        long delay = baseMillis << Math.min(attempt, 20);
        attempt++;
        if (delay > maxMillis || delay <= 0) {
            return maxMillis;
        }
        return delay;
    }

    public void reset() {
        attempt = 0;
    }

    public int attemptsSoFar() {
        return attempt;
    }

    public long totalDelayBudget(int attempts) {
        long total = 0;
        BackoffPolicy probe = new BackoffPolicy(baseMillis, maxMillis);
        for (int i = 0; i < attempts; i++) {
            total += probe.nextDelay();
        }
        return total;
    }
}
