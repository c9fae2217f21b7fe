package com.acme.alpha;

import java.util.ArrayList;
import java.util.List;

/**
 * Exponentially weighted moving-average demand forecast per SKU.
 */
public class DemandForecaster {
    private final double alpha;
    private final List<Double> history = new ArrayList<>();
    private double currentEstimate;

    public DemandForecaster(double alpha) {
        if (alpha <= 0.0 || alpha > 1.0) {
            throw new IllegalArgumentException("smoothing factor out of range");
        }
        this.alpha = alpha;
    }

    public void observe(double unitsSold) {
        history.add(unitsSold);
        if (history.size() == 1) {
            currentEstimate = unitsSold;
        } else {
            currentEstimate = alpha * unitsSold + (1.0 - alpha) * currentEstimate;
        }
    }

    public double forecast() {
        if (history.isEmpty()) {
            throw new IllegalStateException("no observations yet");
        }
        return currentEstimate;
    }

    public double forecastHorizon(int periods) {
        double base = forecast();
        double trend = recentTrend();
        return Math.max(0.0, base + trend * periods);
    }

    private double recentTrend() {
        int n = history.size();
        if (n < 2) {
            return 0.0;
        }
        double last = history.get(n - 1);
        double prev = history.get(n - 2);
        return (last - prev) / 2.0;
    }
}
