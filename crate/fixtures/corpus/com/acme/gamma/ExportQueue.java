package com.acme.gamma;

import java.util.ArrayDeque;
import java.util.Deque;

/**
 * FIFO export queue with a dead-letter side channel after repeated
 * delivery failures.
 */
public class ExportQueue {
    private final Deque<String> pending = new ArrayDeque<>();
    private final Deque<String> deadLetters = new ArrayDeque<>();
    private final int maxAttempts;
    private int attemptsOnHead;

    public ExportQueue(int maxAttempts) {
        if (maxAttempts < 1) {
            throw new IllegalArgumentException("need at least one attempt");
        }
        this.maxAttempts = maxAttempts;
    }

    public void enqueue(String payload) {
        pending.addLast(payload);
    }

    public String peek() {
        String head = pending.peekFirst();
        if (head == null) {
            throw new IllegalStateException("queue is empty");
        }
        return head;
    }

    public void acknowledge() {
        pending.pollFirst();
        attemptsOnHead = 0;
    }

    public void reject() {
        attemptsOnHead++;
        if (attemptsOnHead >= maxAttempts) {
            String failed = pending.pollFirst();
            if (failed != null) {
                deadLetters.addLast(failed);
            }
            attemptsOnHead = 0;
        }
    }

    public int pendingCount() {
        return pending.size();
    }

    public int deadLetterCount() {
        return deadLetters.size();
    }
}
