package shop;

import java.util.ArrayList;
import java.util.List;

public class Order {
  public String customer;
  private final List<Line> lines = new ArrayList<>();
  private Invoice invoice;
  static final double VAT = 0.21;

  public void add(Line line) {
    lines.add(line);
  }

  public double total(boolean express, boolean gift, int region, int weight, String code, double discount) {
    double sum = 0;
    for (Line l : lines) {
      sum += l.price() * l.quantity();
    }
    if (express && weight > 10) {
      sum += 15;
    } else if (express) {
      sum += 7.5;
    }
    if (gift || code != null) {
      sum += 3;
    }
    switch (region) {
      case 1:
        sum *= 1.1;
        break;
      case 2:
        sum *= 1.2;
        break;
      case 3:
        sum *= 1.35;
        break;
      default:
        break;
    }
    return discount > 0 ? sum * (1 - discount) : sum * (1 + VAT);
  }

  public Invoice invoice() {
    if (invoice == null) {
      invoice = new Invoice(this);
    }
    return invoice;
  }
}
