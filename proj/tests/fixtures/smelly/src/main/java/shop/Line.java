package shop;

public class Line {
  private final double price;
  private final int quantity;

  public Line(double price, int quantity) {
    this.price = price;
    this.quantity = quantity;
  }

  public double price() {
    return price;
  }

  public int quantity() {
    return quantity;
  }
}
