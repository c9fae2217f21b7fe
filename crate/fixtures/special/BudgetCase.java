package com.acme.special;

public class BudgetCase {
    private int total;

    public void add(int value) {
        total = total + value;
    }

    public void clear() {
        total = 0;
    }

    public int mean(int count) {
        if (count == 0) {
            return 0;
        }
        return total / count;
    }
}
